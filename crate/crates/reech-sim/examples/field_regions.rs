//! Show the nine-region field partition and deploy a seeded set of nodes,
//! dumping the placement CSV.
//!
//! ```bash
//! cargo run -p reech-sim --example field_regions
//! ```

use reech_sim::rng::seeded;
use reech_sim::topology::{deploy_nodes, placement_csv, FieldSpec, Point, RegionMap};

fn main() {
    let map = RegionMap::build(FieldSpec::default()).unwrap();

    println!(
        "field {} m x {} m, sink at ({}, {})\n",
        map.field.width_m, map.field.height_m, map.field.sink.x, map.field.sink.y
    );
    println!(
        "{:>3}  {:>18}  {:>10}  {:>6}  routing",
        "id", "x-range (m)", "y-range", "quota"
    );
    for region in &map.regions {
        println!(
            "{:>3}  [{:>5.1}, {:>5.1})  [{:>5.1}, {:>5.1})  {:>6}  {:?}",
            region.id.label(),
            region.x_min,
            region.x_max,
            region.y_min,
            region.y_max,
            region.quota,
            region.mode,
        );
    }
    let total_area: f64 = map.regions.iter().map(|r| r.area_m2()).sum();
    println!("\nareas sum to {total_area} m^2 (the regions tile the field exactly)");

    for p in [
        Point::new(50.0, 50.0),
        Point::new(90.0, 90.0),
        Point::new(10.0, 60.0),
    ] {
        println!(
            "point ({:>4.1}, {:>4.1}) lies in {}",
            p.x,
            p.y,
            map.locate(p).unwrap()
        );
    }

    let nodes = deploy_nodes(&map, 0.5, &mut seeded(1));
    println!("\ndeployed {} nodes (seed 1); placement CSV:", nodes.len());
    let csv = placement_csv(&nodes);
    for line in csv.lines().take(8) {
        println!("  {line}");
    }
    println!("  ... ({} rows total)", csv.lines().count() - 1);
}
