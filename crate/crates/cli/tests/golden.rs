mod common;

use std::path::Path;

#[test]
fn every_subcommand_matches_its_golden_file() {
    let problems = common::check_goldens(Path::new(env!("CARGO_BIN_EXE_lsea")));
    assert!(problems.is_empty(), "{}", problems.join("\n\n"));
}
