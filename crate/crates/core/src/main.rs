fn main() {
    std::process::exit(bll_core::cli::run(std::env::args_os()));
}
