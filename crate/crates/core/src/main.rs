fn main() {
    std::process::exit(lattice_units::cli::main());
}
