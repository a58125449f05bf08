fn main() {
    std::process::exit(wellsep::cli::run());
}
