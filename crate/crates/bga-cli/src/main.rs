use bga_cli::commands::run_command;

fn main() {
    let code = run_command(std::env::args_os(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    std::process::exit(code);
}
