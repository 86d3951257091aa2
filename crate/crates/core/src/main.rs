fn main() {
    std::process::exit(droplet::cli::main_with_args(std::env::args_os()));
}
