fn main() {
    std::process::exit(nilpotent::cli::run(std::env::args_os()));
}
