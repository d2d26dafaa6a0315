fn main() -> std::process::ExitCode {
    flowtutor_server::cli::main()
}
