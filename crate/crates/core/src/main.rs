fn main() {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("DTS_LOG", "warn")).init();
    std::process::exit(dts::experiment::run_cli(std::env::args_os()));
}
