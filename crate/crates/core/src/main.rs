fn main() -> std::process::ExitCode {
    selfrecip::cli::main()
}
