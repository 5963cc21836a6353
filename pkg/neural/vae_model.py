"""
VAE model module - dense variational autoencoder for binary vectors.

Encoder: Dense(N->H) -> BatchNorm -> ReLU -> two heads Dense(H->d) for mu and logvar.
Decoder: Dense(d->H) -> BatchNorm -> ReLU -> Dense(H->N) -> sigmoid.
"""
import numpy as np

from neural.layers import BatchNormLayer, DenseLayer, ShapeError, relu, sigmoid

TRAINING = "training"
INFERENCE = "inference"

LOGVAR_LIMIT = 10.0
PROBABILITY_CLAMP = 1e-7


def vae_loss(reconstruction, batch, mu, logvar):
    """
    Negative ELBO for binary data

    Parameters:
    - reconstruction: Decoder probabilities, shape (B, N)
    - batch: Targets in {0, 1}, shape (B, N)
    - mu, logvar: Posterior parameters, shape (B, d)

    Returns:
    - Tuple (total, bce, kl), each averaged over the batch rows
    """
    if reconstruction.shape != batch.shape or mu.shape != logvar.shape or mu.shape[0] != batch.shape[0]:
        raise ShapeError("reconstruction/batch and mu/logvar shapes must agree")
    rows = batch.shape[0]
    p = np.clip(reconstruction, PROBABILITY_CLAMP, 1.0 - PROBABILITY_CLAMP)
    bce = -np.sum(batch * np.log(p) + (1.0 - batch) * np.log(1.0 - p)) / rows
    kl = -0.5 * np.sum(1.0 + logvar - mu ** 2 - np.exp(logvar)) / rows
    return float(bce + kl), float(bce), float(kl)


class VaeModel:
    layer_names = ("enc_hidden", "enc_norm", "mu_head", "logvar_head", "dec_hidden", "dec_norm", "dec_out")

    def __init__(self, n, hidden_size=4096, latent_dim=32, rng=None, momentum=0.1, epsilon=1e-5):
        """
        Initialize the model

        Parameters:
        - n: Genome length
        - hidden_size: Width of the single hidden layer in encoder and decoder
        - latent_dim: Latent space dimension
        - rng: numpy Generator for weight initialization
        - momentum, epsilon: Batch normalization settings
        """
        rng = rng if rng is not None else np.random.default_rng()
        self.n = n
        self.hidden_size = hidden_size
        self.latent_dim = latent_dim

        self.enc_hidden = DenseLayer(n, hidden_size, rng)
        self.enc_norm = BatchNormLayer(hidden_size, momentum, epsilon)
        self.mu_head = DenseLayer(hidden_size, latent_dim, rng)
        self.logvar_head = DenseLayer(hidden_size, latent_dim, rng)
        self.dec_hidden = DenseLayer(latent_dim, hidden_size, rng)
        self.dec_norm = BatchNormLayer(hidden_size, momentum, epsilon)
        self.dec_out = DenseLayer(hidden_size, n, rng)
        self.mode = TRAINING
        self._cache = {}
        self.optimizer = None

    def set_mode(self, mode):
        if mode not in (TRAINING, INFERENCE):
            raise ValueError(f"mode must be '{TRAINING}' or '{INFERENCE}', got {mode!r}")
        self.mode = mode
        self.enc_norm.training = self.dec_norm.training = mode == TRAINING

    def parameters(self):
        """
        Trainable parameters by qualified name

        Returns:
        - Dictionary name -> (layer, attribute name)
        """
        params = {}
        for layer_name in self.layer_names:
            layer = getattr(self, layer_name)
            for attr in layer.param_names:
                params[f"{layer_name}.{attr}"] = (layer, attr)
        return params

    def gradients(self):
        return {name: getattr(layer, "d" + attr) for name, (layer, attr) in self.parameters().items()}

    def encode(self, batch, update_stats=False):
        """Posterior parameters (mu, clamped logvar) for each row of batch."""
        if batch.ndim != 2 or batch.shape[1] != self.n:
            raise ShapeError(f"batch must have shape (rows, {self.n}), got {batch.shape}")
        hidden = self.enc_norm.forward(self.enc_hidden.forward(batch), update_stats)
        activated = relu(hidden)
        mu = self.mu_head.forward(activated)
        raw_logvar = self.logvar_head.forward(activated)
        self._cache.update(enc_pre=hidden, raw_logvar=raw_logvar)
        return mu, np.clip(raw_logvar, -LOGVAR_LIMIT, LOGVAR_LIMIT)

    def decode(self, z, update_stats=False):
        """Bitwise probabilities for each latent row of z, clamped to [1e-7, 1 - 1e-7]."""
        if z.ndim != 2 or z.shape[1] != self.latent_dim:
            raise ShapeError(f"latent batch must have shape (rows, {self.latent_dim}), got {z.shape}")
        hidden = self.dec_norm.forward(self.dec_hidden.forward(z), update_stats)
        self._cache.update(dec_pre=hidden)
        probabilities = sigmoid(self.dec_out.forward(relu(hidden)))
        return np.clip(probabilities, PROBABILITY_CLAMP, 1.0 - PROBABILITY_CLAMP)

    def forward(self, batch, noise, mode=None, update_stats=True):
        """
        Reparameterized pass z = mu + exp(logvar / 2) * noise

        Parameters:
        - batch: Genomes as reals, shape (B, N)
        - noise: Standard normal draws, shape (B, latent_dim)
        - mode: "training" or "inference" (keeps the current mode if None)
        - update_stats: Whether a training-mode pass updates the running statistics

        Returns:
        - Tuple (reconstruction, mu, logvar)
        """
        if mode is not None:
            self.set_mode(mode)
        if noise.shape != (batch.shape[0], self.latent_dim):
            raise ShapeError(f"noise must have shape {(batch.shape[0], self.latent_dim)}, got {noise.shape}")
        mu, logvar = self.encode(batch, update_stats)
        std = np.exp(0.5 * logvar)
        z = mu + std * noise
        reconstruction = self.decode(z, update_stats)
        self._cache.update(batch=batch, noise=noise, mu=mu, logvar=logvar, std=std, reconstruction=reconstruction)
        return reconstruction, mu, logvar

    def backward(self):
        """
        Gradient of the total loss of the last forward pass w.r.t. every parameter

        Returns:
        - Dictionary name -> gradient array (also stored on the layers)
        """
        if self.mode != TRAINING:
            raise ValueError("backward needs a training-mode forward pass")
        c = self._cache
        batch, p = c["batch"], c["reconstruction"]
        rows = batch.shape[0]

        inside = (p > PROBABILITY_CLAMP) & (p < 1.0 - PROBABILITY_CLAMP)
        grad_logits = np.where(inside, (p - batch) / rows, 0.0)
        grad_hidden = self.dec_out.backward(grad_logits) * (c["dec_pre"] > 0)
        grad_z = self.dec_hidden.backward(self.dec_norm.backward(grad_hidden))

        grad_mu = grad_z + c["mu"] / rows
        grad_logvar = 0.5 * grad_z * c["noise"] * c["std"] + 0.5 * (np.exp(c["logvar"]) - 1.0) / rows
        raw = c["raw_logvar"]
        grad_logvar = np.where((raw > -LOGVAR_LIMIT) & (raw < LOGVAR_LIMIT), grad_logvar, 0.0)

        grad_activated = self.mu_head.backward(grad_mu) + self.logvar_head.backward(grad_logvar)
        grad_hidden = grad_activated * (c["enc_pre"] > 0)
        self.enc_hidden.backward(self.enc_norm.backward(grad_hidden))
        return self.gradients()

    def reconstruct(self, batch):
        """Deterministic reconstruction (noise = 0) in inference mode."""
        previous = self.mode
        self.set_mode(INFERENCE)
        mu, _ = self.encode(batch)
        probabilities = self.decode(mu)
        self.set_mode(previous)
        return probabilities


def forward(model, batch, mode, noise):
    return model.forward(batch, noise, mode=mode)


def loss(reconstruction, batch, mu, logvar):
    return vae_loss(reconstruction, batch, mu, logvar)


def backward(model, batch, noise):
    """Gradients of the loss for (batch, noise), without touching running statistics."""
    model.forward(batch, noise, update_stats=False)
    return {name: grad.copy() for name, grad in model.backward().items()}
