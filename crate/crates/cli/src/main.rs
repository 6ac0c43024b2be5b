fn main() {
    std::process::exit(clifford_phase::run(std::env::args_os()));
}
