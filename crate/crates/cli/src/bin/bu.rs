fn main() {
    std::process::exit(tverberg_cli::main_entry());
}
