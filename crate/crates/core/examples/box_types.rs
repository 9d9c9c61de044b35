//! Box types of the subgroups <2^q> and of their images under S.

use gost_alt::cipher::{CipherParams, CipherSpec};
use gost_alt::types::{check_not_w_form, find_boxplus_contrast, image_under_s, show_type, subgroup_type, type_of};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> gost_alt::error::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let spec = CipherSpec::random_bijective(CipherParams::new(8, 2, 4, 3)?, &mut rng)?;
    let params = spec.params();
    println!(" q  D     DS");
    for q in 0..=params.n {
        let d = subgroup_type(q, params)?;
        let ds = type_of(&image_under_s(&spec, q), params);
        println!("{q:2}  {}  {}", d.types, show_type(&ds));
    }
    println!("type kept for proper q: {}", check_not_w_form(&spec)?.len());

    if let Some(c) = find_boxplus_contrast(params) {
        println!(
            "\n{:?} has type {} but {:#x} [+] it has type {}",
            c.set,
            c.before,
            c.v,
            show_type(&c.after)
        );
    }
    Ok(())
}
