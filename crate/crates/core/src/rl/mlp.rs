use rand::Rng;

use crate::error::{Error, Result};

/// One fully connected layer. `weights` is row-major `outputs x inputs`.
#[derive(Debug, Clone, PartialEq)]
pub struct Dense {
    pub inputs: usize,
    pub outputs: usize,
    pub weights: Vec<f64>,
    pub biases: Vec<f64>,
}

impl Dense {
    pub fn zeros(inputs: usize, outputs: usize) -> Dense {
        Dense {
            inputs,
            outputs,
            weights: vec![0.0; inputs * outputs],
            biases: vec![0.0; outputs],
        }
    }

    fn same_shape(&self, other: &Dense) -> bool {
        self.inputs == other.inputs && self.outputs == other.outputs
    }

    pub fn params(&self) -> impl Iterator<Item = &f64> {
        self.weights.iter().chain(&self.biases)
    }

    pub fn params_mut(&mut self) -> impl Iterator<Item = &mut f64> {
        self.weights.iter_mut().chain(&mut self.biases)
    }

    fn apply(&self, x: &[f64], out: &mut Vec<f64>) {
        out.clear();
        out.extend(self.biases.iter().enumerate().map(|(o, b)| {
            let row = &self.weights[o * self.inputs..(o + 1) * self.inputs];
            b + row.iter().zip(x).map(|(w, xi)| w * xi).sum::<f64>()
        }));
    }
}

/// Dense Q-network: ReLU hidden layers, identity output.
#[derive(Debug, Clone, PartialEq)]
pub struct QNetwork {
    layer_dims: Vec<usize>,
    layers: Vec<Dense>,
}

fn check_dims(layer_dims: &[usize]) -> Result<()> {
    if layer_dims.len() < 2 || layer_dims.contains(&0) {
        return Err(Error::Config(format!(
            "network needs at least input and output dims, all positive; got {layer_dims:?}"
        )));
    }
    Ok(())
}

impl QNetwork {
    /// Glorot-uniform weights, zero biases.
    pub fn new<R: Rng + ?Sized>(layer_dims: &[usize], rng: &mut R) -> Result<QNetwork> {
        let mut net = QNetwork::zeros(layer_dims)?;
        for layer in &mut net.layers {
            let limit = (6.0 / (layer.inputs + layer.outputs) as f64).sqrt();
            for w in &mut layer.weights {
                *w = rng.gen_range(-limit..=limit);
            }
        }
        Ok(net)
    }

    pub fn zeros(layer_dims: &[usize]) -> Result<QNetwork> {
        check_dims(layer_dims)?;
        let layers = layer_dims
            .windows(2)
            .map(|w| Dense::zeros(w[0], w[1]))
            .collect();
        Ok(QNetwork {
            layer_dims: layer_dims.to_vec(),
            layers,
        })
    }

    pub fn from_layers(layers: Vec<Dense>) -> Result<QNetwork> {
        let first = layers
            .first()
            .ok_or_else(|| Error::Config("network without layers".into()))?;
        let mut dims = vec![first.inputs];
        for layer in &layers {
            if layer.inputs != *dims.last().unwrap()
                || layer.weights.len() != layer.inputs * layer.outputs
                || layer.biases.len() != layer.outputs
            {
                return Err(Error::Shape {
                    context: "layer stack",
                    expected: *dims.last().unwrap(),
                    actual: layer.inputs,
                });
            }
            dims.push(layer.outputs);
        }
        check_dims(&dims)?;
        Ok(QNetwork {
            layer_dims: dims,
            layers,
        })
    }

    pub fn layer_dims(&self) -> &[usize] {
        &self.layer_dims
    }

    pub fn input_dim(&self) -> usize {
        self.layer_dims[0]
    }

    pub fn output_dim(&self) -> usize {
        *self.layer_dims.last().unwrap()
    }

    pub fn layers(&self) -> &[Dense] {
        &self.layers
    }

    pub fn layers_mut(&mut self) -> &mut [Dense] {
        &mut self.layers
    }

    pub fn parameter_count(&self) -> usize {
        self.layers
            .iter()
            .map(|l| l.weights.len() + l.biases.len())
            .sum()
    }

    pub fn is_finite(&self) -> bool {
        self.layers.iter().flat_map(Dense::params).all(|p| p.is_finite())
    }

    /// Zero-valued parameter blocks shaped like this network.
    pub fn zeros_like(&self) -> Vec<Dense> {
        self.layers
            .iter()
            .map(|l| Dense::zeros(l.inputs, l.outputs))
            .collect()
    }

    pub fn same_shape(&self, other: &QNetwork) -> bool {
        self.layer_dims == other.layer_dims
    }

    fn check_input(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.input_dim() {
            return Err(Error::Shape {
                context: "network input",
                expected: self.input_dim(),
                actual: x.len(),
            });
        }
        Ok(())
    }

    pub fn forward(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_input(x)?;
        let mut cur = x.to_vec();
        let mut next = Vec::new();
        let last = self.layers.len() - 1;
        for (i, layer) in self.layers.iter().enumerate() {
            layer.apply(&cur, &mut next);
            if i < last {
                next.iter_mut().for_each(|v| *v = v.max(0.0));
            }
            std::mem::swap(&mut cur, &mut next);
        }
        Ok(cur)
    }

    /// Forward pass keeping every layer's post-activation output; element 0
    /// is the input, the last element the Q-values.
    pub(crate) fn forward_trace(&self, x: &[f64]) -> Result<Vec<Vec<f64>>> {
        self.check_input(x)?;
        let mut acts = Vec::with_capacity(self.layers.len() + 1);
        acts.push(x.to_vec());
        let last = self.layers.len() - 1;
        for (i, layer) in self.layers.iter().enumerate() {
            let mut out = Vec::with_capacity(layer.outputs);
            layer.apply(acts.last().unwrap(), &mut out);
            if i < last {
                out.iter_mut().for_each(|v| *v = v.max(0.0));
            }
            acts.push(out);
        }
        Ok(acts)
    }

    /// Accumulates parameter gradients into `grads` given dLoss/dOutput.
    pub(crate) fn backward(&self, acts: &[Vec<f64>], output_grad: &[f64], grads: &mut [Dense]) {
        let mut delta = output_grad.to_vec();
        for (i, layer) in self.layers.iter().enumerate().rev() {
            let input = &acts[i];
            let g = &mut grads[i];
            for (o, &d) in delta.iter().enumerate() {
                if d == 0.0 {
                    continue;
                }
                g.biases[o] += d;
                let row = &mut g.weights[o * layer.inputs..(o + 1) * layer.inputs];
                for (gw, &xi) in row.iter_mut().zip(input) {
                    *gw += d * xi;
                }
            }
            if i == 0 {
                break;
            }
            // ReLU derivative: the stored activation is positive iff the unit was active.
            let mut prev = vec![0.0; layer.inputs];
            for (o, &d) in delta.iter().enumerate() {
                if d == 0.0 {
                    continue;
                }
                let row = &layer.weights[o * layer.inputs..(o + 1) * layer.inputs];
                for (p, &w) in prev.iter_mut().zip(row) {
                    *p += d * w;
                }
            }
            for (p, &a) in prev.iter_mut().zip(input) {
                if a <= 0.0 {
                    *p = 0.0;
                }
            }
            delta = prev;
        }
    }

    /// Overwrites this network's parameters with `other`'s.
    pub fn copy_from(&mut self, other: &QNetwork) -> Result<()> {
        if !self.same_shape(other) {
            return Err(Error::Shape {
                context: "parameter copy",
                expected: self.parameter_count(),
                actual: other.parameter_count(),
            });
        }
        for (dst, src) in self.layers.iter_mut().zip(&other.layers) {
            debug_assert!(dst.same_shape(src));
            dst.weights.copy_from_slice(&src.weights);
            dst.biases.copy_from_slice(&src.biases);
        }
        Ok(())
    }
}

/// Index of the largest value among allowed entries; ties go to the lower index.
pub fn argmax_masked(values: &[f64], mask: Option<&[bool]>) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, &v) in values.iter().enumerate() {
        if mask.is_some_and(|m| !m.get(i).copied().unwrap_or(false)) {
            continue;
        }
        match best {
            Some((_, b)) if v <= b => {}
            _ => best = Some((i, v)),
        }
    }
    best.map(|(i, _)| i)
}
