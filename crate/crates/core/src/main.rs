fn main() {
    std::process::exit(alpha_cheeger::cli::main_from_env());
}
