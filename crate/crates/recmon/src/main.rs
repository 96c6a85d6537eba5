fn main() {
    std::process::exit(recmon::cli::main());
}
