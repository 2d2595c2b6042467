fn main() {
    std::process::exit(treesimp::cli::run());
}
