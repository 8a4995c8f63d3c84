fn main() {
    std::process::exit(modlap::cli::main());
}
