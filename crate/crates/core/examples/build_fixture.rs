//! Builds a program file and prints the system in `.sls` form.
//!
//! `cargo run -p reactime-core --example build_fixture -- PROGRAM PREFIX NAME`

use reactime_core::psyc::{build_lts, parse_program, BuildOptions};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let [path, prefix, name] = args.as_slice() else {
        eprintln!("usage: build_fixture PROGRAM PREFIX NAME");
        std::process::exit(2);
    };
    let text = std::fs::read_to_string(path).expect("readable program");
    let program = parse_program(&text).expect("valid program");
    let options = BuildOptions {
        state_prefix: prefix.clone(),
        name: name.clone(),
        ..BuildOptions::default()
    };
    let sys = build_lts(&program, &options).expect("buildable program");
    print!("{}", reactime_core::sls::write(&sys));
}
