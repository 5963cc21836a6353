"""
Layers module - dense and batch normalization layers with hand-written backward passes.

Layers cache what their backward pass needs during forward; gradients are stored on the layer
under the parameter name prefixed with "d".
"""
import numpy as np
from scipy.special import expit


class ShapeError(ValueError):
    """Array shapes do not fit the layer or model."""


def glorot_uniform(fan_in, fan_out, rng):
    limit = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-limit, limit, size=(fan_out, fan_in))


def relu(x):
    return np.maximum(x, 0.0)


def sigmoid(x):
    return expit(x)


class DenseLayer:
    param_names = ("weights", "biases")

    def __init__(self, in_features, out_features, rng=None):
        """
        Fully connected layer y = x W^T + b

        Parameters:
        - in_features: Input width
        - out_features: Output width
        - rng: numpy Generator for uniform Glorot initialization (zeros if None)
        """
        self.in_features = in_features
        self.out_features = out_features
        if rng is None:
            self.weights = np.zeros((out_features, in_features))
        else:
            self.weights = glorot_uniform(in_features, out_features, rng)
        self.biases = np.zeros(out_features)
        self.dweights = np.zeros_like(self.weights)
        self.dbiases = np.zeros_like(self.biases)
        self._input = None

    def forward(self, x):
        if x.ndim != 2 or x.shape[1] != self.in_features:
            raise ShapeError(f"dense layer expects (batch, {self.in_features}), got {x.shape}")
        self._input = x
        return x @ self.weights.T + self.biases

    def backward(self, grad_output):
        self.dweights = grad_output.T @ self._input
        self.dbiases = grad_output.sum(axis=0)
        return grad_output @ self.weights


class BatchNormLayer:
    param_names = ("gamma", "beta")

    def __init__(self, num_features, momentum=0.1, epsilon=1e-5):
        """
        Per-feature batch normalization

        Parameters:
        - num_features: Width of the normalized input
        - momentum: Weight of the current batch in the running statistics
        - epsilon: Variance stabilizer
        """
        self.num_features = num_features
        self.momentum = momentum
        self.epsilon = epsilon
        self.gamma = np.ones(num_features)
        self.beta = np.zeros(num_features)
        self.running_mean = np.zeros(num_features)
        self.running_var = np.ones(num_features)
        self.dgamma = np.zeros(num_features)
        self.dbeta = np.zeros(num_features)
        self.training = True
        self._x_hat = None
        self._inv_std = None

    def forward(self, x, update_stats=True):
        if x.ndim != 2 or x.shape[1] != self.num_features:
            raise ShapeError(f"batch norm expects (batch, {self.num_features}), got {x.shape}")

        if not self.training:
            x_hat = (x - self.running_mean) / np.sqrt(self.running_var + self.epsilon)
            return self.gamma * x_hat + self.beta

        batch = x.shape[0]
        mean = x.mean(axis=0)
        var = x.var(axis=0)
        self._inv_std = 1.0 / np.sqrt(var + self.epsilon)
        self._x_hat = (x - mean) * self._inv_std

        if update_stats:
            unbiased = var * batch / (batch - 1) if batch > 1 else var
            self.running_mean = (1.0 - self.momentum) * self.running_mean + self.momentum * mean
            self.running_var = (1.0 - self.momentum) * self.running_var + self.momentum * unbiased

        return self.gamma * self._x_hat + self.beta

    def backward(self, grad_output):
        x_hat = self._x_hat
        batch = grad_output.shape[0]
        self.dgamma = (grad_output * x_hat).sum(axis=0)
        self.dbeta = grad_output.sum(axis=0)
        grad_x_hat = grad_output * self.gamma
        return (self._inv_std / batch) * (
            batch * grad_x_hat
            - grad_x_hat.sum(axis=0)
            - x_hat * (grad_x_hat * x_hat).sum(axis=0)
        )
