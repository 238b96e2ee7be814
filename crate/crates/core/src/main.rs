fn main() {
    std::process::exit(retroalg::cli::main());
}
