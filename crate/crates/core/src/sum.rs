use num_complex::Complex64;

/// Neumaier-compensated accumulator for complex sums.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    re: (f64, f64),
    im: (f64, f64),
}

fn neumaier(acc: &mut (f64, f64), x: f64) {
    let (sum, comp) = *acc;
    let t = sum + x;
    let c = if sum.abs() >= x.abs() { (sum - t) + x } else { (x - t) + sum };
    *acc = (t, comp + c);
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, z: Complex64) {
        neumaier(&mut self.re, z.re);
        neumaier(&mut self.im, z.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.0 + self.re.1, self.im.0 + self.im.1)
    }
}

impl FromIterator<Complex64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = Complex64>>(iter: I) -> Self {
        let mut s = Self::new();
        for z in iter {
            s.add(z);
        }
        s
    }
}
