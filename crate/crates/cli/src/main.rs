use std::process::ExitCode;

fn main() -> ExitCode {
    osp12_cli::parse_and_run(std::env::args_os())
}
