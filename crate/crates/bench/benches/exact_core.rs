use criterion::{criterion_group, criterion_main, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use gcgeom::bialg::{cybe_obstruction, manin_triple, LieAlgebraData, RMatrix};
use gcgeom::courant::random::{random_coeff, random_exact_twist, random_section, PolyShape};
use gcgeom::courant::{axioms_check_triples, loday_bracket};
use gcgeom::genlin::suite::{random_instance, run_lemmas};
use gcgeom::symcalc::Chart;

fn coefficients(c: &mut Criterion) {
    let ch = Chart::full("xyz", &["x", "y", "z"]);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let shape = PolyShape::default();
    let fs: Vec<_> = (0..8).map(|_| random_coeff(&mut rng, &ch, shape)).collect();
    let dens: Vec<_> = fs.iter().filter_map(|f| f.inv()).collect();
    c.bench_function("coeff/mul-add-8", |b| b.iter(|| fs.iter().zip(&dens).fold(fs[0].clone(), |acc, (f, g)| acc.mul(f).add(g))));
}

fn brackets(c: &mut Criterion) {
    let ch = Chart::full("xyz", &["x", "y", "z"]);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let shape = PolyShape::default();
    let tw = random_exact_twist(&mut rng, &ch, shape);
    let x = random_section(&mut rng, &ch, shape);
    let y = random_section(&mut rng, &ch, shape);
    c.bench_function("courant/loday-bracket", |b| b.iter(|| loday_bracket(&x, &y, &tw).unwrap()));
    let triples: Vec<_> =
        (0..10).map(|_| (random_section(&mut rng, &ch, shape), random_section(&mut rng, &ch, shape), random_section(&mut rng, &ch, shape))).collect();
    c.bench_function("courant/axioms-10-triples", |b| b.iter(|| axioms_check_triples(&loday_bracket, &triples, &tw).unwrap()));
}

fn lemmas(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (gk, k) = random_instance(&mut rng, 4);
    c.bench_function("genlin/five-lemmas-n4", |b| b.iter(|| run_lemmas(&k, &gk, &[])));
}

fn bialgebras(c: &mut Criterion) {
    let g = LieAlgebraData::sl2();
    let r = RMatrix::sl2_standard();
    c.bench_function("bialg/cybe-sl2", |b| b.iter(|| cybe_obstruction(&g, &r).unwrap()));
    c.bench_function("bialg/manin-sl2", |b| b.iter(|| manin_triple(&g, &r).unwrap()));
}

criterion_group!(benches, coefficients, brackets, lemmas, bialgebras);
criterion_main!(benches);
