fn main() {
    std::process::exit(commex::cli::main_with_args(std::env::args_os()));
}
