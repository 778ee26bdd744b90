fn main() {
    std::process::exit(pgroup::cli::run(std::env::args().skip(1)));
}
