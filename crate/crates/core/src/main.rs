fn main() {
    std::process::exit(chern_realize::cli::run(std::env::args_os()));
}
