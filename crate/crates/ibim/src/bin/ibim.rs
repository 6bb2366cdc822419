fn main() {
    std::process::exit(ibim::cli::run());
}
