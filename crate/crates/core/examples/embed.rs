//! Driving reactions from Rust instead of a trace file.

use smalite::ast::{Event, Path, Value};
use smalite::semantics::Interpreter;
use smalite::surface::elaborate_source;

const SRC: &str = "
Component root {
  Int level 0;
  Spike up;
  Spike full;
  inc: last level + 1 =: level;
  up -> inc;
  (level >= 3) -> full;
}";

fn main() {
    let prog = elaborate_source(SRC).expect("valid program");
    let interp = Interpreter::new(&prog);
    let mut state = interp.init().expect("init");
    let up = Event::Trigger(Path::parse("root.up").unwrap());
    for _ in 0..4 {
        let out = interp.react(&state, &up).expect("safe reaction");
        state = out.state;
        let level = &state.env[&Path::parse("root.level").unwrap()];
        let emitted: Vec<String> = out.emitted.iter().map(|e| e.to_string()).collect();
        println!("level {} emitted [{}]", level, emitted.join(", "));
    }
    let reset = Event::Assign(Value::Int(0), Path::parse("root.level").unwrap());
    state = interp.react(&state, &reset).expect("safe reaction").state;
    println!("after reset: level {}", state.env[&Path::parse("root.level").unwrap()]);
}
