//! Prints the codimension table and the F(b) minimum for a few M.

use fano_locus::codim::{codim_table, fb_minimum, qr_codim_bounds, theorem_bounds};

fn main() {
    print!("{}", codim_table(5, 12).unwrap().to_text());
    for m in [6, 10, 20] {
        let fb = fb_minimum(m).unwrap();
        println!("M = {m}: min F(b) = {} at b = {}, with the line {}", fb.min, fb.argmin, fb.overall);
    }
    let q = qr_codim_bounds(10, 4).unwrap();
    let t = theorem_bounds(10).unwrap();
    println!("M = 10: rank <= 4 locus codim {}, theorem bound {}", q.locus, t.bound);
}
