fn main() {
    std::process::exit(pdem::cli::main_from_env());
}
