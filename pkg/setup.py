#!/usr/bin/env python
from setuptools import setup

setup(
    name='smpleak',
    version='0.1',
    keywords='communication-complexity, information-theory, simultaneous-message-passing, equality',
    description='Exact evaluation, transformation and bounds for simultaneous message passing protocols.',
    packages=['smpleak', 'usage', 'benchmark', 'tests'],
    license='MIT License ',
    long_description=open('readme.md').read(),
    long_description_content_type='text/markdown',
    install_requires=['numpy', 'scipy'],
    extras_require={'test': ['hypothesis']},
    entry_points={
        'console_scripts': ['smpleak=smpleak.cli:main'],
    },
    classifiers=[
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.10",
    ]
)
