# Neural package initialization
from neural.vae_model import VaeModel, vae_loss
from neural.nadam import NadamState, nadam_step
from neural.trainer import TrainConfig, VaeTrainer
