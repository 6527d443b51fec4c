fn main() -> std::process::ExitCode {
    twistlab::cli_main()
}
