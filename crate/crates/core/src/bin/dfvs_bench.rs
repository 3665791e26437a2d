use std::io;
use std::sync::atomic::AtomicBool;
use std::sync::Arc;

use signal_hook::consts::{SIGINT, SIGTERM};

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cancel = Arc::new(AtomicBool::new(false));
    for sig in [SIGTERM, SIGINT] {
        if let Err(e) = signal_hook::flag::register(sig, Arc::clone(&cancel)) {
            log::warn!("cannot install handler for signal {sig}: {e}");
        }
    }
    let code = dfvs::cli::run_bench_cli(
        std::env::args_os().collect(),
        &mut io::stdout().lock(),
        &mut io::stderr(),
        &cancel,
    );
    std::process::exit(code);
}
