fn main() {
    std::process::exit(cycount::cli::main());
}
