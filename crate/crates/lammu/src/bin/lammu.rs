use lammu::cli::{run, WORKER_STACK};

fn main() {
    let main = std::thread::Builder::new()
        .stack_size(WORKER_STACK)
        .spawn(|| run(std::env::args_os(), &mut std::io::stdout().lock()))
        .expect("main thread spawns");
    std::process::exit(main.join().unwrap_or(101));
}
