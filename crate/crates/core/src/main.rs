fn main() {
    std::process::exit(respoly::cli::main_from_env());
}
