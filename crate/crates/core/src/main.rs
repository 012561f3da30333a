fn main() {
    std::process::exit(lslocal::cli::run());
}
