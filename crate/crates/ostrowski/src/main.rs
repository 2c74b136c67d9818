use std::process::exit;

fn main() {
    exit(ostrowski::cli::run(std::env::args_os()));
}
