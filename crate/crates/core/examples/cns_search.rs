//! CNS graph variant prober: counts selected constraint rows for one
//! variant given as CLI arguments.
//! Usage: cns_search "<myt1l>" "<zic1>" "<brn2>" "<stat3b>" <rows>
//! where inputs look like "+Hes5,-Olig2" and rows like "fp,tp".

use bnsynth_core::synthesis::{Mode, Observation, SynthesisOptions, SynthesisProblem};
use bnsynth_core::{synthesize, InfluenceGraph};

const NODES: [&str; 12] = [
    "Pax6", "Hes5", "Mash1", "Scl", "Olig2", "Stat3", "Zic1", "Brn2", "Tuj1", "Myt1L", "Sox8",
    "Aldh1L1",
];

fn idx(name: &str) -> usize {
    NODES.iter().position(|&n| n == name).unwrap_or_else(|| panic!("unknown node {name}"))
}

fn observations() -> Vec<Observation> {
    let all_zero = |name: &str| {
        Observation::new(name, (0..12).map(|i| (i, false)).collect::<Vec<_>>()).unwrap()
    };
    let obs = |name: &str, on: &[&str], off: &[&str]| {
        let mut pairs: Vec<(usize, bool)> = on.iter().map(|g| (idx(g), true)).collect();
        pairs.extend(off.iter().map(|g| (idx(g), false)));
        Observation::new(name, pairs).unwrap()
    };
    vec![
        all_zero("0"),
        obs("iPax6", &["Pax6"], &["Hes5", "Mash1", "Scl", "Olig2", "Stat3", "Zic1", "Brn2", "Tuj1", "Myt1L", "Sox8", "Aldh1L1"]),
        obs("tM", &["Pax6"], &["Aldh1L1", "Olig2", "Scl", "Sox8", "Tuj1"]),
        obs("fT", &["Brn2", "Tuj1", "Zic1"], &["Aldh1L1", "Sox8"]),
        obs("tO", &["Olig2", "Pax6"], &["Aldh1L1", "Scl", "Sox8", "Tuj1"]),
        obs("fMS", &["Sox8"], &["Aldh1L1", "Brn2", "Tuj1", "Zic1"]),
        obs("tS", &["Pax6", "Scl"], &["Aldh1L1", "Olig2", "Sox8", "Tuj1"]),
        obs("fA", &["Aldh1L1"], &["Brn2", "Sox8", "Tuj1", "Zic1"]),
    ]
}

fn problem_for(graph: &InfluenceGraph, row: &str) -> SynthesisProblem {
    let o = |name: &str| -> usize {
        ["0", "iPax6", "tM", "fT", "tO", "fMS", "tS", "fA"].iter().position(|&x| x == name).unwrap()
    };
    let pr = vec![
        (o("iPax6"), o("tM")), (o("tM"), o("fT")),
        (o("iPax6"), o("tO")), (o("tO"), o("fMS")),
        (o("iPax6"), o("tS")), (o("tS"), o("fA")),
    ];
    let nr = vec![(o("0"), o("fT")), (o("0"), o("fMS")), (o("0"), o("fA"))];
    let fp = vec![o("fT"), o("fMS"), o("fA")];
    let markers = ["Aldh1L1", "Myt1L", "Sox8", "Tuj1"];
    let tp: Vec<(usize, usize)> = fp
        .iter()
        .flat_map(|&m| markers.iter().map(move |g| (m, idx(g))))
        .collect();
    let parts: Vec<&str> = row.split('+').collect();
    let has = |k: &str| parts.contains(&k);
    SynthesisProblem::new(
        graph.clone(),
        observations(),
        if has("pr") { pr } else { vec![] },
        if has("nr") { nr } else { vec![] },
        if has("fp") { fp } else { vec![] },
        if has("tp") { tp } else { vec![] },
    )
    .unwrap()
}

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let spec = args.first().expect("edge spec like 'Pax6>+Hes5;Mash1>-Hes5;...'");
    let rows = args.get(1).map(|s| s.as_str()).unwrap_or("fp");

    let mut graph = InfluenceGraph::empty(12);
    for part in spec.split(';').filter(|p| !p.is_empty()) {
        let (from, rest) = part.split_once('>').expect("edge like Pax6>+Hes5");
        let (sign, to) = rest.split_at(1);
        graph.add_edge(idx(from), idx(to), sign == "+");
    }

    print!("[{spec}]");
    for row in rows.split(';') {
        let count = synthesize(
            &problem_for(&graph, row),
            &SynthesisOptions { mode: Mode::Count, with_witness: false, jobs: 1, ..Default::default() },
        )
        .unwrap()
        .count;
        print!(" {row}={count}");
    }
    println!();
}
