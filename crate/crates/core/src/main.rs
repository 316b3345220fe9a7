fn main() {
    std::process::exit(special_cocycles::cli::main_with_args(std::env::args_os()));
}
