fn main() {
    std::process::exit(excoll::cli::main_with_stdio());
}
