fn main() {
    std::process::exit(miscal::cli::main());
}
