//! Binary entry point; all behavior lives in the library.

fn main() {
    std::process::exit(probclone_cli::cli::run());
}
