use std::process::ExitCode;

use hnd_core::acceptance::{run_all, Golden};

fn main() -> ExitCode {
    let golden = Golden::builtin().expect("builtin golden parses");
    let outcomes = run_all(&golden);
    for o in &outcomes {
        println!("{}", o.line());
    }
    let failed: Vec<&str> = outcomes.iter().filter(|o| !o.passed).map(|o| o.name.as_str()).collect();
    if failed.is_empty() {
        println!("acceptance: {} of {} criteria passed", outcomes.len(), outcomes.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
