fn main() {
    std::process::exit(genset::cli::main_entry());
}
