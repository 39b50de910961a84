/**
 * Writer for the decoding pipeline's container format:
 *   manifest.json  - shape, dtype, channel metadata, declared label set
 *   data.bin       - little-endian float32, row-major [n_channels x n_samples]
 *   events.csv     - "onset_sample,label" rows, onsets strictly increasing
 */
import * as fs from 'fs';
import * as path from 'path';

export const CONTAINER_FORMAT_VERSION = '1';

export interface ChannelInfo {
    name: string;
    region: string | null;
    hemisphere: 'left' | 'right' | null;
}

export interface ConvertedRecording {
    participantId: string;
    fs: number;
    channels: ChannelInfo[];
    /** one Float32Array per channel, equal lengths */
    data: Float32Array[];
    /** [onsetSample, label], not necessarily sorted */
    events: Array<[number, string]>;
    /** provenance of the unit normalization, stored in the manifest */
    sourceUnits?: { unit: string; scaleToMicrovolts: number };
}

export function writeContainer(outDir: string, rec: ConvertedRecording): void {
    if (rec.channels.length !== rec.data.length) {
        throw new Error(`${rec.channels.length} channel entries for ${rec.data.length} data rows`);
    }
    const nSamples = rec.data[0]?.length ?? 0;
    for (const row of rec.data) {
        if (row.length !== nSamples) throw new Error('channel rows differ in length');
    }

    const events = [...rec.events].sort((a, b) => a[0] - b[0]);
    const deduped: Array<[number, string]> = [];
    for (const ev of events) {
        const last = deduped[deduped.length - 1];
        if (last && last[0] === ev[0]) continue; // strictly increasing onsets required
        deduped.push(ev);
    }

    fs.mkdirSync(outDir, { recursive: true });

    const manifest: Record<string, unknown> = {
        format_version: CONTAINER_FORMAT_VERSION,
        participant_id: rec.participantId,
        fs: rec.fs,
        n_channels: rec.channels.length,
        n_samples: nSamples,
        dtype: 'float32',
        byte_order: 'little',
        order: 'row-major',
        channels: rec.channels.map((c) => ({
            name: c.name,
            region: c.region,
            hemisphere: c.hemisphere,
        })),
        labels: [...new Set(deduped.map((e) => e[1]))].sort(),
    };
    if (rec.sourceUnits) {
        manifest['source_units'] = {
            unit: rec.sourceUnits.unit,
            scale_to_microvolts: rec.sourceUnits.scaleToMicrovolts,
        };
    }
    fs.writeFileSync(path.join(outDir, 'manifest.json'), JSON.stringify(manifest, null, 2) + '\n');

    const flat = Buffer.allocUnsafe(rec.channels.length * nSamples * 4);
    rec.data.forEach((row, ch) => {
        // Float32Array buffers are little-endian on every supported platform,
        // but go through a DataView to make the byte order explicit.
        const view = new DataView(flat.buffer, flat.byteOffset + ch * nSamples * 4, nSamples * 4);
        for (let i = 0; i < nSamples; i++) view.setFloat32(i * 4, row[i], true);
    });
    fs.writeFileSync(path.join(outDir, 'data.bin'), flat);

    const lines = ['onset_sample,label', ...deduped.map(([o, l]) => `${o},${l}`)];
    fs.writeFileSync(path.join(outDir, 'events.csv'), lines.join('\n') + '\n');
}
