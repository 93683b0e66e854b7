fn main() {
    std::process::exit(qpc::cli::run());
}
