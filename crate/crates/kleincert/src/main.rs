fn main() {
    let code = kleincert::cli::dispatch(std::env::args_os());
    std::process::exit(code);
}
