fn main() {
    std::process::exit(unicusp::cli::run());
}
