//! Runs the built-in validation suite, the same one behind `fracdelta validate`.

use fracdelta::validation::{render_table, run, ValidationOptions};

fn main() {
    let results = run(&ValidationOptions::default());
    print!("{}", render_table(&results));
    let failed = results.iter().filter(|r| !r.passed).count();
    println!("{failed} failing check(s)");
}
