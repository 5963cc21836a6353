"""
Trainer module - minibatch training of the VAE with Nadam.
"""
from dataclasses import dataclass

import numpy as np

from neural.nadam import NadamState, nadam_step
from neural.vae_model import INFERENCE, TRAINING, ShapeError, vae_loss


@dataclass
class TrainConfig:
    batch_size: int = 64
    epochs: int = 500
    learning_rate: float = 0.001
    shuffle_seed: int = 0

    def __post_init__(self):
        if self.batch_size < 1 or self.epochs < 1 or self.learning_rate <= 0:
            raise ValueError("batch_size, epochs and learning_rate must be positive")


class VaeTrainer:
    def __init__(self, config):
        """
        Initialize with a training configuration

        Parameters:
        - config: TrainConfig
        """
        self.config = config
        self.loss_history = []

    def train(self, model, data, rng):
        """
        Train the model on every row of data for config.epochs epochs

        Rows are reshuffled every epoch with a generator seeded by config.shuffle_seed; the last
        batch of an epoch may be shorter than batch_size. Noise for the reparameterization is drawn
        from rng. The optimizer state lives on the model (model.optimizer) so warm starts resume it.

        Parameters:
        - model: VaeModel
        - data: Float matrix of shape (rows, N)
        - rng: numpy Generator for latent noise

        Returns:
        - The trained model, left in inference mode
        """
        if data.ndim != 2 or data.shape[1] != model.n:
            raise ShapeError(f"training data must have shape (rows, {model.n}), got {data.shape}")
        config = self.config
        shuffler = np.random.Generator(np.random.PCG64(config.shuffle_seed))
        if getattr(model, "optimizer", None) is None:
            model.optimizer = NadamState(alpha=config.learning_rate)

        params = {name: getattr(layer, attr) for name, (layer, attr) in model.parameters().items()}
        model.set_mode(TRAINING)
        rows = data.shape[0]
        self.loss_history = []

        for _ in range(config.epochs):
            order = shuffler.permutation(rows)
            epoch_loss = 0.0
            for start in range(0, rows, config.batch_size):
                batch = data[order[start:start + config.batch_size]]
                noise = rng.standard_normal((batch.shape[0], model.latent_dim))
                reconstruction, mu, logvar = model.forward(batch, noise)
                total, _, _ = vae_loss(reconstruction, batch, mu, logvar)
                nadam_step(model.optimizer, params, model.backward())
                epoch_loss += total * batch.shape[0]
            self.loss_history.append(epoch_loss / rows)

        model.set_mode(INFERENCE)
        return model


def train(model, data, config, rng):
    return VaeTrainer(config).train(model, data, rng)
