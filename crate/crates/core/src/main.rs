fn main() {
    std::process::exit(treewire::cli::run(std::env::args_os()));
}
