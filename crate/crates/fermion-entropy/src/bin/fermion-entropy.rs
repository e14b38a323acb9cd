fn main() {
    std::process::exit(fermion_entropy::cli::run(std::env::args_os()));
}
