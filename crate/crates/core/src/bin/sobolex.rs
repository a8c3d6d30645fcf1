fn main() {
    std::process::exit(sobolex::cli::main_with(std::env::args_os()));
}
