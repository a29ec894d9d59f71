//! Bundled fan, form and map files. On the command line `@name` refers to
//! one of these instead of a path, e.g. `--fan @h2 --form @alpha10`.

const FILES: &[(&str, &str)] = &[
    ("alpha10", include_str!("../fixtures/alpha10.json")),
    ("alpha21", include_str!("../fixtures/alpha21.json")),
    ("fake135", include_str!("../fixtures/fake135.json")),
    ("fan5", include_str!("../fixtures/fan5.json")),
    ("h2", include_str!("../fixtures/h2.json")),
    ("h2_map", include_str!("../fixtures/h2_map.json")),
    ("p112", include_str!("../fixtures/p112.json")),
    ("p135", include_str!("../fixtures/p135.json")),
    ("p2", include_str!("../fixtures/p2.json")),
    ("pencil", include_str!("../fixtures/pencil.json")),
    ("quadric_map", include_str!("../fixtures/quadric_map.json")),
];

pub fn get(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn names() -> impl Iterator<Item = &'static str> {
    FILES.iter().map(|(n, _)| *n)
}

/// The bundled fans, in a fixed order.
pub const FANS: &[&str] = &["p2", "p135", "fake135", "p112", "h2", "fan5"];
