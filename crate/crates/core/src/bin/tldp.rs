fn main() -> std::process::ExitCode {
    toric_cascade::cli::main()
}
