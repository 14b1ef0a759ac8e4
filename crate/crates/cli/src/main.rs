fn main() {
    let report = brauer_cli::run(std::env::args_os());
    let text = report.rendered();
    if !text.is_empty() {
        if report.exit == brauer_cli::EXIT_USAGE {
            eprint!("{text}");
        } else {
            print!("{text}");
        }
    }
    std::process::exit(report.exit);
}
