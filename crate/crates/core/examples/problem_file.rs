//! Running a CLI problem file in process and reading the report.

use relcalc::cli::{dispatch, parse_str, Command};
use relcalc::Tolerance;

const PROBLEM: &str = r#"{
  "version": 1,
  "field": "complex",
  "matrices": { "A": [[1, 0], [0, 0]] },
  "lss-solve": {
    "relation": { "matrix": "A" },
    "weight": { "matrix": [[1, 0], [0, 1]], "kind": "psd" },
    "b": [1, [1, 1]]
  }
}"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let file = parse_str(PROBLEM)?;
    let report = dispatch(Command::LssSolve, &file, &Tolerance::default(), true)?;
    print!("{}", report.to_text());
    Ok(())
}
