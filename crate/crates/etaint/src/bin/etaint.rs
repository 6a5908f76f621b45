fn main() {
    std::process::exit(etaint::cli::main(std::env::args_os()));
}
