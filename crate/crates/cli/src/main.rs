use clap::Parser;

fn main() {
    let cli = opv_cli::Cli::parse();
    let result = opv_cli::run(&cli);
    print!("{}", result.stdout);
    eprint!("{}", result.stderr);
    std::process::exit(result.exit_code);
}
