/**
 * NWB-style archive reader (HDF5 via h5wasm).
 *
 * Reads the subset the decoding pipeline needs from one .nwb file:
 *   /acquisition/<series>/data            [n_samples x n_channels]
 *   /acquisition/<series>/starting_time   (attr "rate")
 *   /general/extracellular_ephys/electrodes/{id,location,hemisphere}
 *   /intervals/trials/{start_time,label}
 * `data` is converted to microvolts as raw * conversion * 1e6, with the
 * conversion attribute defaulting to 1 (values already in volts).
 */
import h5wasm from 'h5wasm/node';

import { UnsupportedLayout } from './errors.js';

export interface NwbTrial {
    startSeconds: number;
    label: string;
}

export interface NwbRecording {
    participantId: string;
    fs: number;
    channelNames: string[];
    regions: Array<string | null>;
    hemispheres: Array<'left' | 'right' | null>;
    samples: Float64Array[]; // microvolts, [channel][sample]
    trials: NwbTrial[];
    sourceUnit: string;
    unitScale: number;
}

let ready: Promise<unknown> | null = null;

async function h5(): Promise<typeof h5wasm> {
    if (!ready) ready = h5wasm.ready;
    await ready;
    return h5wasm;
}

function attrValue(node: any, name: string): unknown {
    const attr = node?.attrs?.[name];
    return attr ? attr.value : undefined;
}

export async function readNwbParticipant(filePath: string, participantId: string): Promise<NwbRecording> {
    const lib = await h5();
    let file: InstanceType<typeof lib.File>;
    try {
        file = new lib.File(filePath, 'r');
    } catch (err) {
        throw new UnsupportedLayout(filePath, `not readable as HDF5 (${(err as Error).message})`);
    }
    try {
        const acquisition = file.get('acquisition');
        if (!acquisition || !(acquisition instanceof lib.Group)) {
            throw new UnsupportedLayout(filePath, 'missing /acquisition group');
        }
        const seriesNames = acquisition.keys();
        if (seriesNames.length === 0) {
            throw new UnsupportedLayout(filePath, '/acquisition holds no series');
        }
        const seriesName = seriesNames.includes('ElectricalSeries')
            ? 'ElectricalSeries'
            : seriesNames[0];

        const dataset = file.get(`acquisition/${seriesName}/data`) as InstanceType<typeof lib.Dataset>;
        if (!dataset || !dataset.shape || dataset.shape.length !== 2) {
            throw new UnsupportedLayout(filePath, `acquisition/${seriesName}/data is not 2-D`);
        }
        const [nSamples, nChannels] = dataset.shape;
        const conversion = Number(attrValue(dataset, 'conversion') ?? 1.0);
        const unit = String(attrValue(dataset, 'unit') ?? 'volts');

        const startingTime = file.get(`acquisition/${seriesName}/starting_time`);
        const rate = Number(attrValue(startingTime, 'rate'));
        if (!Number.isFinite(rate) || rate <= 0) {
            throw new UnsupportedLayout(filePath, 'starting_time lacks a positive rate attribute');
        }

        const raw = dataset.value as Float32Array | Float64Array;
        const samples: Float64Array[] = [];
        for (let ch = 0; ch < nChannels; ch++) {
            const row = new Float64Array(nSamples);
            for (let t = 0; t < nSamples; t++) {
                row[t] = raw[t * nChannels + ch] * conversion * 1e6;
            }
            samples.push(row);
        }

        const electrodes = file.get('general/extracellular_ephys/electrodes');
        let channelNames: string[] = [];
        let regions: Array<string | null> = Array(nChannels).fill(null);
        let hemispheres: Array<'left' | 'right' | null> = Array(nChannels).fill(null);
        if (electrodes && electrodes instanceof lib.Group) {
            const ids = electrodes.keys().includes('id')
                ? Array.from((electrodes.get('id') as any).value as ArrayLike<number | bigint>)
                : Array.from({ length: nChannels }, (_, i) => i);
            channelNames = ids.map((id) => `elec${id}`);
            if (electrodes.keys().includes('location')) {
                const locations = (electrodes.get('location') as any).value as string[];
                regions = Array.from(locations, (l) => (l && l !== 'unknown' ? String(l) : null));
            }
            if (electrodes.keys().includes('hemisphere')) {
                const hemis = (electrodes.get('hemisphere') as any).value as string[];
                hemispheres = Array.from(hemis, (h) => {
                    const v = String(h).toLowerCase();
                    return v === 'left' || v === 'right' ? v : null;
                });
            }
        } else {
            channelNames = Array.from({ length: nChannels }, (_, i) => `elec${i}`);
        }
        if (channelNames.length !== nChannels) {
            throw new UnsupportedLayout(
                filePath,
                `electrodes table lists ${channelNames.length} rows for ${nChannels} data columns`,
            );
        }

        const trialsGroup = file.get('intervals/trials');
        if (!trialsGroup || !(trialsGroup instanceof lib.Group)) {
            throw new UnsupportedLayout(filePath, 'missing /intervals/trials');
        }
        const starts = Array.from((trialsGroup.get('start_time') as any).value as ArrayLike<number>);
        const labels = Array.from((trialsGroup.get('label') as any).value as ArrayLike<string>);
        if (starts.length !== labels.length) {
            throw new UnsupportedLayout(filePath, 'trials start_time/label length mismatch');
        }
        const trials = starts.map((s, i) => ({ startSeconds: Number(s), label: String(labels[i]) }));

        return {
            participantId,
            fs: rate,
            channelNames,
            regions: regions.slice(0, nChannels),
            hemispheres: hemispheres.slice(0, nChannels),
            samples,
            trials,
            sourceUnit: unit,
            unitScale: conversion * 1e6,
        };
    } finally {
        file.close();
    }
}
