fn main() {
    std::process::exit(padic_indep::cli::run(std::env::args_os()));
}
