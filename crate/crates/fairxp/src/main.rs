fn main() {
    std::process::exit(fairxp::cli::main());
}
