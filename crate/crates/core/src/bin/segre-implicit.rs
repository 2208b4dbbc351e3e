fn main() {
    std::process::exit(segre_implicit::cli::main());
}
