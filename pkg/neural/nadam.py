"""
Nadam module - Adam with Nesterov momentum.

Update for step t (1-based), gradient g:

    m = beta1 * m + (1 - beta1) * g
    v = beta2 * v + (1 - beta2) * g^2
    m_hat = beta1 * m / (1 - beta1^(t+1)) + (1 - beta1) * g / (1 - beta1^t)
    v_hat = v / (1 - beta2^t)
    param -= alpha * m_hat / (sqrt(v_hat) + epsilon)
"""
import numpy as np


class NadamState:
    def __init__(self, alpha=0.001, beta1=0.9, beta2=0.999, epsilon=1e-8):
        """
        Optimizer state shared by all parameters of one model

        Parameters:
        - alpha: Learning rate
        - beta1, beta2: Decay of the first and second moment estimates
        - epsilon: Denominator stabilizer
        """
        self.alpha = alpha
        self.beta1 = beta1
        self.beta2 = beta2
        self.epsilon = epsilon
        self.step_count = 0
        self.first_moment = {}
        self.second_moment = {}


def nadam_step(state, params, grads):
    """
    Apply one Nadam update in place

    Parameters:
    - state: NadamState (step_count is incremented)
    - params: Dictionary name -> parameter array, updated in place
    - grads: Dictionary name -> gradient array of the same shape

    Returns:
    - Tuple (params, state)
    """
    state.step_count += 1
    t = state.step_count
    beta1, beta2 = state.beta1, state.beta2

    for name, param in params.items():
        grad = grads[name]
        if grad.shape != param.shape:
            raise ValueError(f"gradient shape {grad.shape} does not match parameter {name} {param.shape}")
        m = state.first_moment.get(name)
        v = state.second_moment.get(name)
        if m is None:
            m = np.zeros_like(param)
            v = np.zeros_like(param)

        m = beta1 * m + (1.0 - beta1) * grad
        v = beta2 * v + (1.0 - beta2) * grad ** 2
        m_hat = beta1 * m / (1.0 - beta1 ** (t + 1)) + (1.0 - beta1) * grad / (1.0 - beta1 ** t)
        v_hat = v / (1.0 - beta2 ** t)
        param -= state.alpha * m_hat / (np.sqrt(v_hat) + state.epsilon)

        state.first_moment[name] = m
        state.second_moment[name] = v

    return params, state
