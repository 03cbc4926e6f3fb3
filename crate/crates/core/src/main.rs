fn main() {
    let (code, out) = qtline::cli::run(std::env::args_os());
    println!("{out}");
    std::process::exit(code);
}
