fn main() {
    std::process::exit(isoptics_cli::run());
}
