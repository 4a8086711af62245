//! A simulated week in the cave played through the JSON session protocol,
//! serving whatever the engine recommends.
//!
//! cargo run -p witchbayes --example session_game -- 42

use serde_json::Value;
use witchbayes::session::{Response, SessionService};

fn result(resp: Response) -> Value {
    assert!(resp.ok, "{}", resp.to_json());
    resp.result.unwrap()
}

fn main() {
    let seed: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(42);
    let service = SessionService::in_memory();
    let create = format!(r#"{{"op":"create_session","scenario":"witches","mode":"simulated","seed":{seed}}}"#);
    let id = result(service.handle_json(&create))["session"].as_str().unwrap().to_string();

    for _ in 0..7 {
        let state = result(service.handle_json(&format!(r#"{{"op":"next_day","session":"{id}"}}"#)));
        let hat = state["pending_day"]["hat"].as_str().unwrap().to_string();
        let food = state["recommended"][&hat].as_str().unwrap().to_string();
        let serve = format!(r#"{{"op":"serve","session":"{id}","food":"{food}"}}"#);
        let outcome = result(service.handle_json(&serve));
        println!(
            "day {}: hat {hat}, served {food:<5}, witch likes {:<5} {}",
            outcome["day"],
            outcome["witch_taste"].as_str().unwrap(),
            if outcome["angry"] == true { "ANGRY" } else { "" }
        );
    }

    let state = result(service.handle_json(&format!(r#"{{"op":"state","session":"{id}"}}"#)));
    println!("\nhats so far: {}", state["hats"].as_str().unwrap());
    for entry in state["posterior"].as_array().unwrap() {
        println!("P({}) = {} = {}", entry["label"].as_str().unwrap(), entry["exact"].as_str().unwrap(), entry["approx"].as_str().unwrap());
    }
    let what_if = format!(r#"{{"op":"what_if","session":"{id}","suffix":"VVV"}}"#);
    let hypothetical = result(service.handle_json(&what_if));
    println!("if three more violet hats came: P(V14) = {}", hypothetical["posterior"][1]["exact"].as_str().unwrap());
}
