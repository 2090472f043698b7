fn main() {
    std::process::exit(regionflow::cli_stub());
}
