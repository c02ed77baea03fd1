fn main() {
    std::process::exit(fock_crystal::cli::run(std::env::args_os()));
}
