fn main() {
    env_logger::init();
    std::process::exit(bethe_schubert::verify::cli_main(std::env::args()));
}
