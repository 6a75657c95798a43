fn main() -> std::process::ExitCode {
    upcluster_cli::app::run()
}
