use std::io::{Read, Write};

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let args: Vec<String> = std::env::args().collect();
    let mut stdin = String::new();
    if args.iter().skip(1).any(|a| a == "-") {
        std::io::stdin().read_to_string(&mut stdin).expect("read stdin");
    }
    let out = freegroup::cli::run(args, &stdin);
    std::io::stdout().write_all(out.stdout.as_bytes()).expect("write stdout");
    std::io::stderr().write_all(out.stderr.as_bytes()).expect("write stderr");
    std::process::exit(out.code);
}
