fn main() {
    std::process::exit(nonlocal_interface::cli::main());
}
