fn main() {
    std::process::exit(flagfour::cli::run());
}
