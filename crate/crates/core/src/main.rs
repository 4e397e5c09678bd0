fn main() {
    let mut stdout = std::io::stdout().lock();
    let status = ugeom::cli::run(std::env::args_os(), &mut stdout);
    std::process::exit(status);
}
