fn main() {
    std::process::exit(ikit_cli::commands::main());
}
