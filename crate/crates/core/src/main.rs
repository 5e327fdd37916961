fn main() {
    std::process::exit(hom_hnn::cli::main());
}
