fn main() {
    std::process::exit(sheafgen::cli::run());
}
