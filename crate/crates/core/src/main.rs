fn main() {
    std::process::exit(amoeba::cli::main_entry());
}
