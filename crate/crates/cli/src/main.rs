use std::io::Write;

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().filter_or("COXK_LOG", "warn")).init();
    let out = coxk::run(std::env::args_os());
    // a closed pipe is not worth a panic
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    std::process::exit(out.code);
}
