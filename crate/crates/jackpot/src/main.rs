fn main() {
    std::process::exit(jackpot::cli::run())
}
