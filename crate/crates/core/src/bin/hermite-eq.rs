fn main() {
    std::process::exit(hermite_equilibrium::cli::main_with_args(std::env::args_os()));
}
