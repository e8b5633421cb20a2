fn main() {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("PAINLEVE_LOG", "warn")).init();
    std::process::exit(painleve_cli::run(std::env::args_os()));
}
