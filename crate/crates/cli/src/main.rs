use std::io::Write;

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let o = descentff::run(&argv);
    std::io::stdout().write_all(o.stdout.as_bytes()).ok();
    std::io::stderr().write_all(o.stderr.as_bytes()).ok();
    std::process::exit(o.code);
}
