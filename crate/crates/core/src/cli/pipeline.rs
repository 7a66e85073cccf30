//! Lazily computed artifacts shared by the checks of one run.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::CliError;
use crate::duality::{
    as_regularity, default_window, diagonal_bimodule_resolution, hochschild_ext, rigidity_check, AsComputation,
    BimoduleResolution, ExtTable, RigidityVerdict,
};
use crate::freealg::{FreeElement, Letter, Word};
use crate::groebner::{complete, RewriteSystem};
use crate::hilbert::{hilbert_function, GradedDims};
use crate::presentation::{Expectations, Presentation};
use crate::resolution::{betti, gldim_upto, koszul_check, BettiTable, GldimVerdict, KoszulVerdict, Resolution};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpotCheck {
    pub seed: u64,
    pub samples: usize,
    pub agreeing: usize,
}

pub struct Pipeline {
    pub presentation: Presentation,
    pub expectations: Option<Expectations>,
    pub commentary: Vec<&'static str>,
    pub degree_bound: u32,
    pub homological_bound: usize,
    pub seed: u64,
    rs: Option<RewriteSystem>,
    hilbert: Option<GradedDims>,
    resolution: Option<Resolution>,
    betti: Option<BettiTable>,
    gldim: Option<GldimVerdict>,
    koszul: Option<KoszulVerdict>,
    as_comp: Option<AsComputation>,
    bimodule: Option<BimoduleResolution>,
    hochschild: Option<ExtTable>,
    rigidity: Option<RigidityVerdict>,
}

impl Pipeline {
    pub fn new(presentation: Presentation, degree_bound: u32, homological_bound: usize, seed: u64) -> Self {
        Pipeline {
            presentation,
            expectations: None,
            commentary: Vec::new(),
            degree_bound,
            homological_bound,
            seed,
            rs: None,
            hilbert: None,
            resolution: None,
            betti: None,
            gldim: None,
            koszul: None,
            as_comp: None,
            bimodule: None,
            hochschild: None,
            rigidity: None,
        }
    }

    pub fn rewrite_system(&mut self) -> &RewriteSystem {
        let (p, d) = (&self.presentation, self.degree_bound);
        self.rs.get_or_insert_with(|| complete(p, d))
    }

    pub fn hilbert(&mut self) -> Result<&GradedDims, CliError> {
        if self.hilbert.is_none() {
            let d = self.degree_bound;
            let g = hilbert_function(self.rewrite_system(), d)?;
            self.hilbert = Some(g);
        }
        Ok(self.hilbert.as_ref().expect("set"))
    }

    pub fn resolution(&mut self) -> Result<&Resolution, CliError> {
        if self.resolution.is_none() {
            let (h, d) = (self.homological_bound, self.degree_bound);
            let res = crate::resolution::minimal_resolution(self.rewrite_system(), h, d)?;
            self.resolution = Some(res);
        }
        Ok(self.resolution.as_ref().expect("set"))
    }

    pub fn betti(&mut self) -> Result<&BettiTable, CliError> {
        if self.betti.is_none() {
            let b = betti(self.resolution()?);
            self.gldim = Some(gldim_upto(&b));
            self.betti = Some(b);
        }
        Ok(self.betti.as_ref().expect("set"))
    }

    pub fn gldim(&mut self) -> Result<&GldimVerdict, CliError> {
        self.betti()?;
        Ok(self.gldim.as_ref().expect("set with betti"))
    }

    pub fn koszul(&mut self) -> Result<&KoszulVerdict, CliError> {
        if self.koszul.is_none() {
            let b = self.betti()?.clone();
            let g = self.hilbert()?.clone();
            let degrees: Vec<u32> = self.presentation.generators.iter().map(|g| g.degree).collect();
            self.koszul = Some(koszul_check(&b, &g, &degrees));
        }
        Ok(self.koszul.as_ref().expect("set"))
    }

    pub fn as_computation(&mut self) -> Result<&AsComputation, CliError> {
        if self.as_comp.is_none() {
            let g = self.gldim()?.clone();
            self.resolution()?;
            let rs = self.rs.as_ref().expect("computed with resolution");
            let res = self.resolution.as_ref().expect("computed");
            self.as_comp = Some(as_regularity(&self.presentation, rs, res, &g)?);
        }
        Ok(self.as_comp.as_ref().expect("set"))
    }

    pub fn bimodule(&mut self) -> Result<&BimoduleResolution, CliError> {
        if self.bimodule.is_none() {
            let bm = diagonal_bimodule_resolution(&self.presentation, self.homological_bound, self.degree_bound)?;
            self.bimodule = Some(bm);
        }
        Ok(self.bimodule.as_ref().expect("set"))
    }

    pub fn hochschild(&mut self) -> Result<&ExtTable, CliError> {
        if self.hochschild.is_none() {
            let bm = self.bimodule()?;
            let t = hochschild_ext(&bm.rewrite, &bm.resolution, default_window(&bm.resolution))?;
            self.hochschild = Some(t);
        }
        Ok(self.hochschild.as_ref().expect("set"))
    }

    pub fn rigidity(&mut self) -> Result<&RigidityVerdict, CliError> {
        if self.rigidity.is_none() {
            let t = self.hochschild()?.clone();
            let g = self.hilbert()?.clone();
            let bm = self.bimodule.as_ref().expect("computed with hochschild");
            self.rigidity = Some(rigidity_check(&self.presentation, bm, &t, &g));
        }
        Ok(self.rigidity.as_ref().expect("set"))
    }

    pub fn computed_betti(&self) -> Option<&BettiTable> {
        self.betti.as_ref()
    }

    pub fn computed_koszul(&self) -> Option<&KoszulVerdict> {
        self.koszul.as_ref()
    }

    pub fn computed_as(&self) -> Option<&AsComputation> {
        self.as_comp.as_ref()
    }

    pub fn computed_rigidity(&self) -> Option<&RigidityVerdict> {
        self.rigidity.as_ref()
    }

    /// Reduce random elements in random rewrite order and compare with the
    /// canonical normal form.
    pub fn confluence_spot_check(&mut self, samples: usize) -> SpotCheck {
        let seed = self.seed;
        let rs = self.rewrite_system().clone();
        let gens = rs.generators().to_vec();
        let f = rs.field();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let top = self.degree_bound.min(6);
        let mut agreeing = 0;
        for _ in 0..samples {
            let mut e = FreeElement::zero(f);
            for _ in 0..rng.gen_range(1..=4) {
                let len = rng.gen_range(1..=top as usize);
                let letters: Vec<Letter> = (0..len).map(|_| rng.gen_range(0..gens.len()) as Letter).collect();
                let w = Word::new(&letters, &gens);
                if w.degree() <= self.degree_bound {
                    e.add_term(w, &f.from_i64(rng.gen_range(1..=9)));
                }
            }
            if rs.normal_form_randomized(&e, &mut rng) == rs.normal_form(&e) {
                agreeing += 1;
            }
        }
        SpotCheck { seed, samples, agreeing }
    }
}
