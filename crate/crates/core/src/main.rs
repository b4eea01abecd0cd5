fn main() {
    std::process::exit(setfam::cli::main());
}
