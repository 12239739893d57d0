fn main() {
    std::process::exit(faclair::cli::main())
}
