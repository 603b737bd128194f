fn main() -> std::process::ExitCode {
    netseg::cli::main_entry()
}
