//! Runs the command-line front end on an in-memory problem and prints the
//! JSON report.

use lazard_cad::cli::{run_command, Command, ProblemFile};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let problem = ProblemFile::parse("vars: x, y\n# unit circle\nx^2 + y^2 - 1\n")?;
    let cmd = Command::Cad {
        file: "-".into(),
        probes: 4,
        seed: 1,
    };
    let report = run_command(&problem, &cmd)?;
    println!("{}", serde_json::to_string_pretty(&report.to_json(&problem))?);
    Ok(())
}
